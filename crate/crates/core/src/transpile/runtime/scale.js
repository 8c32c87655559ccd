var MAML=function(){var M={},A=[],W=1,d=document;function r(){var s=innerWidth/W;A.forEach(function(a){a.e.style.left=a.x*s+"px";a.e.style.width=a.w*s+"px"})}M.scale=r;M.init=function(w,t){W=w;addEventListener("load",function(){var c=d.body.children,i,e;for(i=0;i<c.length;i++){e=c[i];if(e.style.position=="absolute")A.push({e:e,x:parseFloat(e.style.left),w:parseFloat(e.style.width)})}r();addEventListener("resize",r);if(t&&M.bind)M.bind(t)})};return M}();
